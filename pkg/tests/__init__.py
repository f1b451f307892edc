"""
Tests for the tomophase package.
"""
