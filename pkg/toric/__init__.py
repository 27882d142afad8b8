# Toric invariants of local-model pairs
