"""
Core functionality for cellkey_dp
"""
