# Core library: graphs, Hamiltonian counts, PlanEq, graphic functions, homology and series

__version__ = "0.1.0"
