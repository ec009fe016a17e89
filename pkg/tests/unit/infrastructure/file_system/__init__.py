# File system tests