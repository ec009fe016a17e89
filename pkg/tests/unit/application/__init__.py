# Application layer tests