"""
Tests for intervalsat
"""
