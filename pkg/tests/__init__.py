"""Tests for tropnev."""
