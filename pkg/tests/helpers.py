from closurebases import ImplicationSet


def compact(sigma_or_ground, text: str) -> ImplicationSet:
    """``"z>a ab>cz"`` over single-character names of an existing ground set."""
    g = getattr(sigma_or_ground, "ground", sigma_or_ground)
    pairs = [(g.mask(list(a)), g.mask(list(b))) for a, b in (t.split(">") for t in text.split())]
    return ImplicationSet.from_pairs(g, pairs).canonical()


def m(sigma, text: str) -> int:
    return sigma.ground.mask(list(text))
