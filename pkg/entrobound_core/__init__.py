# Makes entrobound_core a package
