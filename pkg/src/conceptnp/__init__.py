"""conceptnp: concept-decomposed neural processes over image sets.

Decomposes images into independent latent concepts and fits one latent
random function per concept, so concept-specific laws (motion, row rules)
can be learned, evaluated, exchanged, and composed.
"""

__version__ = "0.1.0"
