# Infrastructure layer tests