# Engine configuration from the environment