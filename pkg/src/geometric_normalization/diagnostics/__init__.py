# Diagnostics Module
