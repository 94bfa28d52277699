from chainmin.calc.chains import *
from chainmin.calc.centred import *
from chainmin.calc.expectation import *
from chainmin.calc.compression import *
