"""
Tests for delay-dd.
"""
