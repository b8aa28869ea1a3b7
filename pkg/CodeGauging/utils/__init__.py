"""
GF(2) algebra, codes, complexes, Pauli operators and file formats for the CodeGauging System.
"""
