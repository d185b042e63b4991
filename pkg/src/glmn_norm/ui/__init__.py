"""Rich console rendering of reports."""
