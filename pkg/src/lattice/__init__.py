# Euclidean lattices with Arakelov degree
