# Domain models and run specifications
