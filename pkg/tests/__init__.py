"""
Test package for parrondo_lab.
"""
