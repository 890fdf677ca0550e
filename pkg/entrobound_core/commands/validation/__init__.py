# entrobound_core/commands/validation/__init__.py
