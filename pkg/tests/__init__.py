"""Module for testing the application."""
