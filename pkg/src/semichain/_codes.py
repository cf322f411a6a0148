"""Insertion status codes shared by the pure and compiled cores."""

OK = 0
DOWN_UP_OVERLAP = 1
NOT_DOWNWARD_CLOSED = 2
NOT_UPWARD_CLOSED = 3
TWO_PLUS_TWO = 4
THREE_PLUS_ONE = 5
