"""
Exporter modules for writing instances and result reports as text
"""
