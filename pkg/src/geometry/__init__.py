"""Newton polyhedra, adapted coordinates and the augmented polyhedron."""
