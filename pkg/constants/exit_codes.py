success = 0
invalid_instance = 1
query_error = 2
io_error = 3
