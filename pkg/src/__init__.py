# Log-Concave Metrics - Main Package
