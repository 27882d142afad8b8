# Utils package for weyl-toric
