# Local-model pairs: catalog, name grammar and structural predicates
