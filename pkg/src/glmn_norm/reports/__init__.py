"""Report containers, JSON codec and schema."""
