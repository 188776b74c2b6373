"""Proof kernel and realizer extraction for the star combinatory calculus."""
