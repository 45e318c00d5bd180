# Exact arithmetic, filtrations and the generic Harder-Narasimhan engine
