# entrobound_core/commands/__init__.py
