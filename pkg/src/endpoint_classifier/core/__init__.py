"""Shared schemas: verdicts, reports and settings models."""
