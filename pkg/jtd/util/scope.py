import collections.abc
import typing


class Scope(collections.abc.MutableMapping):
    """
    Layered settings lookup. A value set on this scope shadows the value of the parent scope, so run controls can be
    resolved as command-line flag, then configuration file, then built-in default.

    Values equal to `None` are treated as unset, which lets optional command-line flags be pushed without checks.
    Writes and deletes only touch the scope itself, never a parent.
    """
    __slots__ = ('_parent', '_data')

    def __init__(self, parent: typing.Optional["Scope"] = None, **values):
        """
        :param parent: The scope to fall back on, if any.
        :param values: Initial values of this scope. `None` values are skipped.
        """
        if parent is not None and not isinstance(parent, Scope):
            raise TypeError("Only instances of Scope can be used as parent.")

        self._data: typing.Dict[str, typing.Any] = {}
        self._parent = parent
        self.update(values)

    @property
    def parent(self) -> typing.Optional["Scope"]:
        return self._parent

    def child(self, **values) -> "Scope":
        """
        :param values: The values shadowing this scope.
        :return: A new scope with this scope as parent.
        """
        return Scope(self, **values)

    def layers(self) -> typing.Iterator["Scope"]:
        """
        :return: This scope followed by its ancestors, nearest first.
        """
        scope = self
        while scope is not None:
            yield scope
            scope = scope._parent

    def owner(self, key: str) -> "Scope":
        """
        :param key: The key to look up.
        :return: The nearest scope in the chain that defines the key.
        """
        for scope in self.layers():
            if key in scope._data:
                return scope
        raise KeyError(key)

    def __getitem__(self, key):
        return self.owner(key)._data[key]

    def __setitem__(self, key, value):
        if value is not None:
            self._data[key] = value

    def __delitem__(self, key):
        del self._data[key]

    def __len__(self):
        return sum(1 for _ in self)

    def __iter__(self):
        seen = set()
        for scope in self.layers():
            for key in scope._data:
                if key not in seen:
                    seen.add(key)
                    yield key
