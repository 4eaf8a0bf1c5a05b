"""Scenario files, per-point pipelines, result files and HTTP endpoints."""
