import typing


# Type variables
KT = typing.TypeVar('KT')
VT = typing.TypeVar('VT')


class Registry(typing.Generic[KT, VT]):
    """
    A generic registry mapping lookup keys to classes, e.g. model checks or Monte Carlo functionals.
    """

    def __init__(self):
        self.registry: typing.Dict[KT, VT] = {}

    def register(self, cls: VT) -> VT:
        """
        Registers the given class. Returns the class so the method can be used as a class decorator.

        :param cls: The class to register.
        :return: The registered class.
        """
        key = self.key(cls)

        if key is None or isinstance(key, bool) or key == '':
            raise ValueError(f"The key {repr(key)} is not a valid key.")

        if key in self.registry and self.registry[key] is not cls:
            raise ValueError(f"Cannot register {cls.__name__}, the key '{key}' is taken by "
                             f"{self.registry[key].__name__}.")

        self.registry[key] = cls
        return cls

    def key(self, cls: VT) -> KT:
        """
        Returns the unique lookup key for the given value.

        :param cls: The unregistered value.
        :return: The key.
        """
        raise NotImplementedError()

    def find(self, key: KT) -> typing.Optional[VT]:
        """
        Looks up the value registered under the given key.

        :param key: The lookup key.
        :return: The corresponding value or `None`.
        """
        return self.registry.get(key, None)

    def get(self, key: KT) -> VT:
        """
        Looks up the value registered under the given key and raises a `KeyError` naming the known keys otherwise.

        :param key: The lookup key.
        :return: The corresponding value.
        """
        item = self.find(key)
        if item is None:
            raise KeyError(f"Unknown key '{key}', expected one of: {', '.join(map(str, self.keys()))}.")
        return item

    def keys(self) -> typing.List[KT]:
        return sorted(self.registry.keys())

    def all(self) -> typing.List[VT]:
        """
        :return: All registered values in key order.
        """
        return [self.registry[key] for key in self.keys()]

    def __contains__(self, key):
        return key in self.registry

    def __len__(self):
        return len(self.registry)


class KeyRegistry(Registry[str, typing.Any]):
    """
    Registry for classes with a `key` class attribute.
    """

    def key(self, cls):
        return cls.key
