"""execution package — Deterministic Python for the linetrees verification toolkit."""
