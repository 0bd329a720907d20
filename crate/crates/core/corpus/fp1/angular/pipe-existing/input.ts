import { Component, OnInit } from '@angular/core';
import { Subject } from 'rxjs';
import { map } from 'rxjs/operators';
import { UserService } from './user.service';

@Component({ selector: 'app-user', template: '<p>{{ name }}</p>' })
export class UserComponent implements OnInit {
  name = '';

  constructor(private users: UserService) {}

  ngOnInit(): void {
    this.users.current$.pipe(map(u => u.name)).subscribe(n => (this.name = n));
  }
}
