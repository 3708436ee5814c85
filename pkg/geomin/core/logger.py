import logging 
import typing 
import datetime
import threading



def get_logger(name : str) -> logging.Logger:
    """
    logger under the ``geomin`` namespace, for example ``get_logger('oracle')`` gives ``geomin.oracle``
    """
    return logging.getLogger(f"geomin.{name}")


class ListHandler(logging.Handler):
    """
    Log history handler. Add and remove this handler to hold a bunch of specific logs. Used by the 
    command line to attach the logs of a single solve to its JSON output. 
    """

    def __init__(self, log_list : typing.Optional[typing.List] = None):
        super().__init__()
        self.log_list : typing.List[typing.Dict] = [] if not log_list else log_list
    
    def emit(self, record : logging.LogRecord):
        self.log_list.append({
            'level' : record.levelname,
            'timestamp' : datetime.datetime.fromtimestamp(record.created).strftime("%Y-%m-%dT%H:%M:%S.%f"),
            'thread_id' : threading.get_ident(),
            'message' : record.getMessage()
        })


log_message_schema = {
    "type" : "object",
    "properties" : {
        "level" : {"type" : "string" },
        "timestamp" : {"type" : "string" },
        "thread_id" : {"type" : "integer"},
        "message" : {"type" : "string"}
    },
    "required" : ["level", "timestamp", "thread_id", "message"],
    "additionalProperties" : False
}


class capture_logs:
    """
    context manager that attaches a ``ListHandler`` to the package root logger. 

    .. code-block:: python

        with capture_logs() as records:
            solve_oracle(m, ctx)
        print(records)
    """

    def __init__(self, level : int = logging.DEBUG) -> None:
        self.handler = ListHandler()
        self.handler.setLevel(level)
        self.logger = logging.getLogger('geomin')
        self._previous_level = None

    def __enter__(self) -> typing.List[typing.Dict]:
        self._previous_level = self.logger.level
        if self.logger.level == logging.NOTSET or self.logger.level > self.handler.level:
            self.logger.setLevel(self.handler.level)
        self.logger.addHandler(self.handler)
        return self.handler.log_list

    def __exit__(self, exc_type, exc_value, tb) -> None:
        self.logger.removeHandler(self.handler)
        self.logger.setLevel(self._previous_level)



__all__ = [
    get_logger.__name__,
    ListHandler.__name__,
    capture_logs.__name__,
    'log_message_schema'
]
