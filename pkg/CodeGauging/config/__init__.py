"""
Configuration files for the CodeGauging System.
"""
