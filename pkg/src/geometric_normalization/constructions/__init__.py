# Constructions Module
