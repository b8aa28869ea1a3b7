"""
Pipeline stages of the CodeGauging System: gauging, SPT construction and energy barriers.
"""
