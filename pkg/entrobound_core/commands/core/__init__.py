# entrobound_core/commands/core/__init__.py
