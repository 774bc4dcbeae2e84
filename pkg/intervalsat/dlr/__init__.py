"""
Disjunctive linear relations: exact LP core, Horn-DLR satisfiability and the point algebra
"""
