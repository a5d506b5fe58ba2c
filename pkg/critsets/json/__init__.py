from .default_handlers import DefaultHandler, JSONEncodable
from .json_encoder import JSONEncoder, JSONEncoderCastable
