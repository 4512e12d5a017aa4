#
# __init__.py
#
"""
Pyvider top-level package; `pyvider.complementarity` lives beneath it.
"""

# 🐍⚛️
