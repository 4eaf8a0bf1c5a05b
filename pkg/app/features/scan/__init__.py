"""x0 scans, maxima detection and extrapolation."""
