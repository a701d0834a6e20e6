"""kbdial: knowledge-base dialogue engine.

Hosts desk-scale triple stores, exposes the three KB tools (node search,
one-hop graph-pattern search with mediator flattening, direct query
execution), drives the multi-turn thought/action loop that incrementally
builds a query, supports human review of proposed actions, and evaluates
answer quality.
"""

__version__ = "0.1.0"
