"""Shared pytest configuration for the test suite.

Having a conftest here puts the tests directory on sys.path, so the
oracle helper module imports as plain ``oracles`` from every test file.
"""
