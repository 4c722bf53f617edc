# Test Package