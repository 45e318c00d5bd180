# Harder-Narasimhan filtrations engine