"""
Allen interval algebra: relations, composition, tractable catalog and closure
"""
