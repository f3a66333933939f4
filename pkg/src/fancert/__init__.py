"""fancert: certification toolkit for unit-group actions on polyhedral fans
over number fields.

The pipeline validates a number field and its unit data, verifies the linear
algebra the compact-quotient construction rests on, checks the fan dynamics
and fundamental-domain tiling at desk scale, and emits a JSON certificate of
the resulting manifold invariants.
"""

__version__ = "0.1.0"
