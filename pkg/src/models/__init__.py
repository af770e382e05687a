"""Data models module."""
