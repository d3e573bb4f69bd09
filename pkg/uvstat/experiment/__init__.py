"""
Scenario runs: built-in scenarios, the runner with its worker pool, artifact writers and self-checks.
"""
