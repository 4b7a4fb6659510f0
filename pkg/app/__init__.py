# Genetic Equality Solver
