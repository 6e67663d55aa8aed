def test_import():
    import klrcalc  # noqa: F401
