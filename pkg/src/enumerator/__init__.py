# This file makes this directory a Python package
