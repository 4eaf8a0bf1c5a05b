"""Spatial grid, initial packet and absorber."""
