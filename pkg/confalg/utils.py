import json
import logging
import os

import pandas as pd


def log_message(message: str, verbose: int, level: int = 1):
    """
    Logs a message only when the caller's verbosity reaches the given level.
    @param message: text to log
    @param verbose: verbosity requested by the caller
    @param level: minimal verbosity at which the message is emitted
    """
    if verbose >= level:
        logging.info(message)


def read_dict(val: str or dict) -> dict or None:
    """
    The function reads a dictionary from a file or converts text to a dictionary.
    @param val: either a file path, a string containing JSON data, or a dictionary
    @return: a dictionary, or None when the input cannot be read
    """
    if isinstance(val, dict):
        return val
    elif isinstance(val, str):
        if os.path.exists(val):
            try:
                with open(val, 'r', encoding='utf-8') as f:
                    val = f.read()
            except IOError:
                return None

        try:
            loaded = json.loads(val)
        except json.JSONDecodeError:
            return None
        return loaded if isinstance(loaded, dict) else None
    else:
        return None


class ConstructionError(ValueError):
    """
    A construction whose input axioms fail. The failing report is kept in `report`.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message if report is None else f"{message}: {report!r}")
        self.report = report


class Report:
    """
    Outcome of an identity check.

    Attributes:
        check (str): name of the check, e.g. "associativity" or "ainf".
        passed (bool): True when every inspected identity vanished.
        arity (int or None): arity n of the first failing identity, when the check is graded by n.
        witness (tuple or None): first failing generator tuple, in product order.
        difference (str or None): the nonzero value found at the witness, in polynomial surface syntax.
        items (list[Report]): sub-reports for item-by-item checks.
    """

    def __init__(self, check: str, passed: bool = True, arity: int = None, witness: tuple = None,
                 difference: str = None, items: list = None):
        self.check = check
        self.passed = passed
        self.arity = arity
        self.witness = tuple(witness) if witness is not None else None
        self.difference = difference
        self.items = items or []

    @classmethod
    def combine(cls, check: str, items: list):
        """
        Builds a report that passes iff all sub-reports pass. The first failing item supplies the witness.
        """
        failing = [item for item in items if not item.passed]
        if not failing:
            return cls(check, True, items=items)
        first = failing[0]
        return cls(check, False, arity=first.arity, witness=first.witness, difference=first.difference,
                   items=items)

    def __bool__(self):
        return self.passed

    def __repr__(self):
        if self.passed:
            return f"Report({self.check!r}, passed)"
        return f"Report({self.check!r}, failed at {self.witness} (n={self.arity}): {self.difference})"

    def to_dict(self) -> dict:
        result = {"check": self.check, "passed": self.passed}
        if not self.passed:
            result["arity"] = self.arity
            result["witness"] = list(self.witness) if self.witness is not None else None
            result["difference"] = self.difference
        if self.items:
            result["items"] = [item.to_dict() for item in self.items]
        return result

    def to_frame(self) -> pd.DataFrame:
        rows = self.items or [self]
        return pd.DataFrame([{
            "check": item.check,
            "passed": item.passed,
            "arity": item.arity,
            "witness": " ".join(item.witness) if item.witness else None,
            "difference": item.difference,
        } for item in rows])
