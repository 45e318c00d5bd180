# Multi-filtered vector spaces over a prime field
