# Command line interface package
