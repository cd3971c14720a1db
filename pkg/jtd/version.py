import typing

VERSION: typing.Tuple[typing.Union[int, str], ...] = (0, 3, 0)
BUILD: int = 0
