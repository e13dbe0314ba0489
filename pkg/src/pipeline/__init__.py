"""End-to-end analysis and report assembly."""
