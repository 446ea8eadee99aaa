"""Configuration-based splitting of algebraic operads and Rota-Baxter calculus."""

__version__ = "0.1.0"
