"""Name -> Potential resolution for CLI-style callers."""


def resolve_surface(name: str, dim: int = 2):
    """Catalog entries plus the bundled LEPS surfaces, by canonical name."""
    from . import catalog, leps
    key = name.strip().lower().replace("-", "_")
    if key == "leps1":
        return leps.leps1()
    if key == "leps2":
        return leps.leps2()
    return catalog.catalog_lookup(key, dim)
