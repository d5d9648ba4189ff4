"""Frozen English stop-word list.

A classic ~170-entry list (function words plus the apostrophe-less stems
of common contractions, since the tokenizer splits on apostrophes).  The
list is part of the index format: changing it changes every index and
every retrieval result, so it is frozen — do not edit casually.
"""

STOP_WORDS = frozenset(
    """
    a about above after again against ain all although am among an and any
    are aren as at be because been before being below besides between both
    but by can cannot could couldn d did didn do does doesn doing don down
    during each else few for from further had hadn has hasn have haven
    having he her here hers herself him himself his how however i if in
    into is isn it its itself just let ll m ma me might mightn more most
    must mustn my myself needn no nor not now o of off on once only or
    other ought our ours ourselves out over own re s same shall shan she
    should shouldn since so some such t than that the their theirs them
    themselves then there these they this those through thus to too
    therefore under until up upon us ve very was wasn we were weren what
    when where whether which while who whom whose why will with within
    without won would wouldn y you your yours yourself yourselves
    """.split()
)
