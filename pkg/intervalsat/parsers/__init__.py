"""
Parser modules for relation, DLR and instance text
"""
