# Arithmetic Module
