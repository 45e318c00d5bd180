# Command-line documents, commands and check suites
