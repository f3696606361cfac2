"""Tone-annotated question answering with combinatory categorial grammar.

Questions marked with pitch accents and boundary tones are parsed into a
theme and a rheme, answered from a knowledge base, and realized as
responses whose tones mark the theme, the rheme and any contrastive focus.
The entry point is `ccgtune.pipeline.run_pipeline`.
"""

__version__ = "0.1.0"
