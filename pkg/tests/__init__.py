# Test package for multi_polybernoulli
