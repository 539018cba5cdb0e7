"""Command modules for the deltaset CLI."""
