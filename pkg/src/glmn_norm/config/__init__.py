"""Configuration management for glmn-norm."""
