from .Presentation import Presentation, parse_presentation
from .Spaces import Spaces
from .Separation import Separation, Separator
from .Transforms import transform
from .Compactness import Compactness
from .StarComb import star_or_comb
from .Oracle import Oracle
