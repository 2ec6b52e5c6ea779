"""Exception types shared across the toolkit.

Every "no" answer carries a concrete witness, since all the definitions
involved are universally quantified.  TheoremViolation is reserved for
states the theory says are impossible: it signals an implementation bug,
never bad input.
"""


class ChainmailError(Exception):
    """Base class for all toolkit errors."""


class CycleDetected(ChainmailError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(f"cover relation contains a cycle through {self.cycle}")


class AxiomViolation(ChainmailError):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"{axiom} violated, witness {witness}")


class EmptyInput(ChainmailError):
    pass


class NotALattice(ChainmailError):
    def __init__(self, witness, kind):
        self.witness = witness
        self.kind = kind  # "join" or "meet" missing
        super().__init__(f"not a complete lattice: pair {witness} has no {kind}")


class NotAChainmail(ChainmailError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not a chainmail: mail {witness} has no join")


class NotMailConnected(ChainmailError):
    def __init__(self, parts):
        self.parts = parts
        super().__init__(f"set is not mail-connected; components {parts}")


class NotLocallyConnectedBelow(ChainmailError):
    def __init__(self, x, witness):
        self.x = x
        self.witness = witness
        super().__init__(
            f"element {witness} below {x} has no connected element below it"
        )


class NotMonotone(ChainmailError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map is not monotone, witness pair {witness}")


class MailJoinNotPreserved(ChainmailError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"join of mail {witness} is not preserved")


class JoinsNotPreserved(ChainmailError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"join not preserved, witness {witness}")


class NotJoinPreserving(JoinsNotPreserved):
    pass


class AdjointFailsSeparatedJoins(ChainmailError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"right adjoint does not preserve the join of separated set {witness}"
        )


class SizeBudgetExceeded(ChainmailError):
    def __init__(self, what, size, budget):
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(f"{what} needs {size} > budget {budget}")


class TheoremViolation(ChainmailError):
    """A law the theory guarantees failed to hold: an implementation bug."""

    def __init__(self, law, witness):
        self.law = law
        self.witness = witness
        super().__init__(f"{law} violated, witness {witness}")
