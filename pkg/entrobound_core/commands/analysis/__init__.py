# entrobound_core/commands/analysis/__init__.py
