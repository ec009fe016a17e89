# Domain layer tests