# Logging, check reports and polygon rendering
