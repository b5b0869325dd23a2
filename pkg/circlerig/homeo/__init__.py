"""Circle homeomorphisms: lifts, classification, flows and constructions."""
