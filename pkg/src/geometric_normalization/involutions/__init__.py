# Involutions Module
