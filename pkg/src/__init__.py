# contractad-lab
# Main package
