import hypothesis

hypothesis.settings.register_profile(
    "gcdzeta", deadline=None, max_examples=100
)
hypothesis.settings.load_profile("gcdzeta")
