from chainmin.core import *
from chainmin.calc import *
from chainmin.verify import *
from chainmin.canvas import *
