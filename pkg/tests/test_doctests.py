"""Run the usage examples embedded in the library docstrings."""

import doctest

import crucialperms.constructions
import crucialperms.core
import crucialperms.cruciality
import crucialperms.levels
import crucialperms.powers
import crucialperms.search

MODULES = (
    crucialperms.core,
    crucialperms.powers,
    crucialperms.levels,
    crucialperms.constructions,
    crucialperms.cruciality,
    crucialperms.search,
)


def test_module_doctests():
    for module in MODULES:
        result = doctest.testmod(module, verbose=False)
        assert result.failed == 0, f"doctest failures in {module.__name__}"
