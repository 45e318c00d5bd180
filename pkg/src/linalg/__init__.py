# Exact linear algebra over prime fields, the rationals and the integers
