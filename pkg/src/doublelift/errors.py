class StructureError(ValueError):
    """A finite algebraic structure failed one of its defining laws.

    The message always starts with the name of the violated law so that
    callers (and the CLI) can report which axiom broke.
    """

    def __init__(self, law: str, detail: str = ""):
        self.law = law
        self.detail = detail
        super().__init__(f"{law}: {detail}" if detail else law)
