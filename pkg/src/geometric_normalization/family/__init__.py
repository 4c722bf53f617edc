# Affine Families Module
