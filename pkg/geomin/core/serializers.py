# adapted from pyro - https://github.com/irmen/Pyro5 - see licenses/pyro-LICENSE.txt
import decimal
import typing
from enum import Enum
from fractions import Fraction
from msgspec import json as msgspecjson

from .constants import JSONSerializable
from .utils import format_exception_as_json



class BaseSerializer(object):
    """
    Base class for (de)serializer implementations. All serializers must inherit this class 
    and overload dumps() and loads(). Any serializer that returns bytes when serialized and 
    a python object on deserialization will be accepted. 
    """

    def __init__(self) -> None:
        super().__init__()
        self.type = None
    
    def loads(self, data) -> typing.Any:
        "deserialize data"
        raise NotImplementedError("implement in subclass")

    def dumps(self, data) -> bytes:
        "serialize data"
        raise NotImplementedError("implement in subclass")
    
    def convert_to_bytes(self, data) -> bytes:
        if isinstance(data, bytes):
            return data
        if isinstance(data, bytearray):
            return bytes(data)
        if isinstance(data, memoryview):
            return data.tobytes()
        if isinstance(data, str):
            return data.encode('utf-8')
        raise TypeError("serializer convert_to_bytes accepts only bytes, bytearray, memoryview or str")
    

class JSONSerializer(BaseSerializer):
    """
    (de)serializer that wraps the msgspec JSON serialization protocol. Extended precision reals 
    are written as decimal strings carrying every digit of their working precision. 
    """

    def __init__(self) -> None:
        super().__init__()
        self.type = msgspecjson

    def loads(self, data : typing.Union[bytearray, memoryview, bytes, str]) -> JSONSerializable:
        "deserialize JSON"
        return msgspecjson.decode(self.convert_to_bytes(data))
    
    def dumps(self, data) -> bytes:
        "serialize to JSON"
        return msgspecjson.encode(data, enc_hook=self.default)
    
    def load(self, file_desc) -> JSONSerializable:
        "load JSON from a file opened in binary or text mode"
        return self.loads(file_desc.read())
      
    @classmethod
    def default(cls, obj) -> JSONSerializable:
        "method called if no serialization option was found."
        if hasattr(obj, 'json'):
            return obj.json()
        if hasattr(obj, '_mpf_'):
            return real_to_str(obj)
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, int):
            return int(obj)
        if isinstance(obj, (Fraction, decimal.Decimal)):
            return str(obj)
        if isinstance(obj, Exception):
            return format_exception_as_json(obj)
        raise TypeError("Given type cannot be converted to JSON : {}".format(type(obj)))
      

def real_to_str(value) -> str:
    """
    decimal string of an extended precision real with all the digits its own context resolves
    """
    context = value.context
    return context.nstr(value, max(context.dps, 1) + 1, strip_zeros=False)



__all__ = [
    BaseSerializer.__name__, 
    JSONSerializer.__name__, 
    real_to_str.__name__
]
