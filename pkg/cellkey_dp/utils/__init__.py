"""
Utility functions for cellkey_dp
"""
