# Configuration, logging and errors
