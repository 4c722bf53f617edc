# Area-Preserving Maps Module
