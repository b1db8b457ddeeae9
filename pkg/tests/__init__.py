"""Package de tests pour wgagliardo."""
