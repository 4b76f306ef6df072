"""
Worked-example checks for cellkey_dp
"""
